# Crystal services
